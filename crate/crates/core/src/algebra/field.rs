//! Finite fields F_q, q = p^e, with table-driven arithmetic.
//!
//! Elements are stored by their canonical value in `[0, q)`: the base-p digits
//! of the value are the coefficients of the element in the power basis
//! `1, x, ..., x^(e-1)` modulo the defining polynomial. For prime fields the
//! value is simply the residue mod p.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size accepted by [`validate_field_spec`].
pub const MAX_FIELD_SIZE: u64 = 512;

/// Validated description of F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u32>>,
    #[serde(skip)]
    q: u32,
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Little-endian coefficients of the defining polynomial, absent for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }
}

#[derive(Deserialize)]
struct RawFieldSpec {
    p: u32,
    e: u32,
    modulus: Option<Vec<u32>>,
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawFieldSpec::deserialize(deserializer)?;
        validate_field_spec(raw.p, raw.e, raw.modulus.as_deref()).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` when it is a prime power.
pub fn prime_power_decomposition(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

// Dense polynomials over F_p used only while validating a modulus.
fn fp_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let dl = den.len();
    let lead_inv = fp_inv(den[dl - 1], p);
    while num.len() >= dl {
        let c = num[num.len() - 1];
        if c != 0 {
            let factor = c * lead_inv % p;
            let shift = num.len() - dl;
            for (i, &d) in den.iter().enumerate() {
                num[shift + i] = (num[shift + i] + p - factor * d % p) % p;
            }
        }
        num.pop();
    }
    while num.last() == Some(&0) {
        num.pop();
    }
    num
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&b| a * b % p == 1)
        .expect("nonzero residue mod a prime")
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    // Every monic divisor candidate of degree d in 1..=e/2.
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push((v % p as u64) as u32);
                v /= p as u64;
            }
            cand.push(1);
            if fp_rem(modulus.to_vec(), &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Validates `(p, e, modulus)` and returns the field description.
///
/// The modulus, little-endian over F_p, must be supplied exactly when `e > 1`,
/// be monic of degree `e`, and be irreducible (checked by exhaustive search
/// for monic divisors of degree at most `e / 2`).
pub fn validate_field_spec(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if e == 0 {
        return Err(Error::InvalidParams(
            "extension degree must be at least 1".into(),
        ));
    }
    let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
    if q > MAX_FIELD_SIZE {
        return Err(Error::UnsupportedSize(q));
    }
    let modulus = match (e, modulus) {
        (1, None) => None,
        (1, Some(_)) => {
            return Err(Error::InvalidModulus("prime fields take no modulus".into()));
        }
        (_, None) => {
            return Err(Error::InvalidModulus(format!(
                "a degree-{e} modulus is required"
            )));
        }
        (_, Some(m)) => {
            if m.len() != e as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients, got {}",
                    e + 1,
                    m.len()
                )));
            }
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!(
                    "coefficient {c} is not below p = {p}"
                )));
            }
            if m[e as usize] != 1 {
                return Err(Error::InvalidModulus("modulus must be monic".into()));
            }
            if !is_irreducible(m, p) {
                return Err(Error::ReducibleModulus);
            }
            Some(m.to_vec())
        }
    };
    Ok(FieldSpec {
        p,
        e,
        modulus,
        q: q as u32,
    })
}

/// An element of F_q, identified by its canonical value in `[0, q)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    spec: FieldSpec,
    add: Vec<u16>,
    neg: Vec<u16>,
    // log of nonzero elements with respect to a fixed generator
    log: Vec<u16>,
    // exp[i] = g^i, doubled so log a + log b never needs a reduction
    exp: Vec<u16>,
}

/// Arithmetic context for F_q. Cheap to clone; equality is equality of specs.
#[derive(Clone)]
pub struct Field {
    tables: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(F_{})", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables) || self.tables.spec == other.tables.spec
    }
}

impl Eq for Field {}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn slow_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let (p, e) = (spec.p, spec.e);
    match &spec.modulus {
        None => a * b % p,
        Some(m) => {
            let (da, db) = (digits(a, p, e), digits(b, p, e));
            let mut prod = vec![0u32; 2 * e as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = fp_rem(prod, m, p);
            r.resize(e as usize, 0);
            undigits(&r, p)
        }
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let (p, e, q) = (spec.p, spec.e, spec.q);
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let da = digits(a, p, e);
            neg[a as usize] =
                undigits(&da.iter().map(|&x| (p - x) % p).collect::<Vec<_>>(), p) as u16;
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s, p) as u16;
            }
        }
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut acc = g;
                let mut k = 1;
                while acc != 1 {
                    acc = slow_mul(&spec, acc, g);
                    k += 1;
                }
                k == order
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; qs];
        let mut acc = 1;
        for i in 0..order as usize {
            exp[i] = acc as u16;
            exp[i + order as usize] = acc as u16;
            log[acc as usize] = i as u16;
            acc = slow_mul(&spec, acc, generator);
        }
        Field {
            tables: Arc::new(Tables {
                spec,
                add,
                neg,
                log,
                exp,
            }),
        }
    }

    /// Convenience constructor for a prime field.
    pub fn prime(p: u32) -> Result<Self> {
        validate_field_spec(p, 1, None).map(Field::new)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.tables.spec
    }

    pub fn q(&self) -> u32 {
        self.tables.spec.q
    }

    pub fn p(&self) -> u32 {
        self.tables.spec.p
    }

    /// The element with canonical value `value`.
    pub fn elem(&self, value: u32) -> Result<FieldElem> {
        if value >= self.q() {
            return Err(Error::ElementOutOfRange { value, q: self.q() });
        }
        Ok(FieldElem(value as u16))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q()).map(|v| FieldElem(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.tables.add[a.0 as usize * self.q() as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.tables.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let t = &self.tables;
        FieldElem(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &self.tables;
        let order = self.q() as usize - 1;
        Ok(FieldElem(
            t.exp[(order - t.log[a.0 as usize] as usize) % order],
        ))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }
}
