//! Univariate polynomials over F_q.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    /// `self <= k`; always true for the zero polynomial.
    pub fn at_most(self, k: i64) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => (d as i64) <= k,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialEq<u32> for Degree {
    fn eq(&self, other: &u32) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<u32> for Degree {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        Some(self.cmp(&Degree::Finite(*other)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial with little-endian coefficients; the last stored coefficient
/// is always nonzero, so the zero polynomial is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<FieldElem>::deserialize(deserializer)?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![FieldElem::ONE],
        }
    }

    /// The monomial `c x^d`.
    pub fn monomial(c: FieldElem, d: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElem::ZERO; d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    /// `x`.
    pub fn x() -> Self {
        Poly::monomial(FieldElem::ONE, 1)
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from canonical element values, checking each against `field`.
    pub fn from_values(field: &Field, values: &[u32]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n as u32 - 1),
        }
    }

    pub fn leading_coeff(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == FieldElem::ONE
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// True when `x^m` divides `self` (the zero polynomial is divisible by everything).
    pub fn divisible_by_x_pow(&self, m: usize) -> bool {
        self.coeffs.iter().take(m).all(|c| c.is_zero())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "x")?,
                (1, v) => write!(f, "{v}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, v) => write!(f, "{v}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `T_u(f)`: the terms of `f` of degree at most `u`.
pub fn truncate_low(f: &Poly, u: i64) -> Result<Poly> {
    if u < 0 {
        return Err(Error::NegativeCutoff(u));
    }
    let keep = (u as usize).saturating_add(1).min(f.coeffs.len());
    Ok(Poly::from_coeffs(f.coeffs[..keep].to_vec()))
}

impl Field {
    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() {
            (f, g)
        } else {
            (g, f)
        };
        let mut out = long.coeffs.clone();
        for (o, &c) in out.iter_mut().zip(&short.coeffs) {
            *o = self.add(*o, c);
        }
        Poly::from_coeffs(out)
    }

    pub fn poly_neg(&self, f: &Poly) -> Poly {
        Poly {
            coeffs: f.coeffs.iter().map(|&c| self.neg(c)).collect(),
        }
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let out = (0..n).map(|i| self.sub(f.coeff(i), g.coeff(i))).collect();
        Poly::from_coeffs(out)
    }

    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElem::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(a, b));
            }
        }
        // Leading product is nonzero in a field.
        Poly { coeffs: out }
    }

    pub fn poly_scale(&self, f: &Poly, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: f.coeffs.iter().map(|&a| self.mul(a, c)).collect(),
        }
    }

    /// Euclidean division: `f = quo * g + rem` with `deg rem < deg g`.
    pub fn poly_divmod(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.coeffs.len() < g.coeffs.len() {
            return Ok((Poly::zero(), f.clone()));
        }
        let gl = g.coeffs.len();
        let lead_inv = self.inv(g.leading_coeff())?;
        let mut rem = f.coeffs.clone();
        let mut quo = vec![FieldElem::ZERO; f.coeffs.len() - gl + 1];
        for shift in (0..quo.len()).rev() {
            let c = rem[shift + gl - 1];
            if c.is_zero() {
                continue;
            }
            let factor = self.mul(c, lead_inv);
            quo[shift] = factor;
            for (i, &b) in g.coeffs.iter().enumerate() {
                rem[shift + i] = self.sub(rem[shift + i], self.mul(factor, b));
            }
        }
        rem.truncate(gl - 1);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn poly_rem(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.poly_divmod(f, g).map(|(_, r)| r)
    }

    /// Scales a nonzero polynomial to leading coefficient one; zero stays zero.
    pub fn make_monic(&self, f: &Poly) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        let inv = self
            .inv(f.leading_coeff())
            .expect("leading coefficient is nonzero");
        self.poly_scale(f, inv)
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.make_monic(&a))
    }

    pub fn poly_eval(&self, f: &Poly, at: FieldElem) -> FieldElem {
        f.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| self.add(self.mul(acc, at), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn p(field: &Field, v: &[u32]) -> Poly {
        Poly::from_values(field, v).unwrap()
    }

    #[test]
    fn degree_sentinel_orders_below_everything() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert!(Poly::zero().degree().at_most(0));
        assert!(Poly::zero().degree().at_most(-5));
        assert_eq!(Poly::x().degree(), 1u32);
        assert_eq!(p(&f2(), &[1, 0, 0]), Poly::one());
    }

    #[test]
    fn ring_examples() {
        let f = f2();
        let x1 = p(&f, &[1, 1]);
        assert_eq!(f.poly_mul(&x1, &x1), p(&f, &[1, 0, 1]));
        assert_eq!(f.poly_add(&x1, &Poly::zero()), x1);
        assert!(f.poly_add(&x1, &x1).is_zero());
    }

    #[test]
    fn divmod_examples() {
        let f = f2();
        let (q, r) = f.poly_divmod(&p(&f, &[1, 1, 1]), &Poly::x()).unwrap();
        assert_eq!((q, r), (p(&f, &[1, 1]), Poly::one()));
        let g = p(&f, &[1, 0, 1, 1]);
        assert_eq!(
            f.poly_divmod(&g, &Poly::one()).unwrap(),
            (g.clone(), Poly::zero())
        );
        let (q, r) = f.poly_divmod(&Poly::x(), &p(&f, &[0, 0, 1])).unwrap();
        assert_eq!((q, r), (Poly::zero(), Poly::x()));
        assert_eq!(f.poly_divmod(&g, &Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let f = f2();
        assert_eq!(
            f.poly_gcd(&p(&f, &[0, 1, 1]), &Poly::x()).unwrap(),
            Poly::x()
        );
        assert_eq!(
            f.poly_gcd(&p(&f, &[1, 1]), &Poly::x()).unwrap(),
            Poly::one()
        );
        let f3 = Field::prime(3).unwrap();
        let g = p(&f3, &[1, 2, 2]);
        assert_eq!(f3.poly_gcd(&g, &Poly::zero()).unwrap(), p(&f3, &[2, 1, 1]));
        assert_eq!(
            f.poly_gcd(&Poly::zero(), &Poly::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn truncation_examples() {
        let f = f2();
        let g = p(&f, &[1, 1, 0, 1]);
        assert_eq!(truncate_low(&g, 2).unwrap(), p(&f, &[1, 1]));
        assert_eq!(truncate_low(&g, 0).unwrap(), Poly::one());
        assert_eq!(truncate_low(&g, 3).unwrap(), g);
        assert_eq!(truncate_low(&g, 10).unwrap(), g);
        assert_eq!(truncate_low(&g, -1), Err(Error::NegativeCutoff(-1)));
    }

    #[test]
    fn display() {
        let f = Field::prime(3).unwrap();
        assert_eq!(p(&f, &[1, 0, 2]).to_string(), "2x^2 + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn all_polys(field: &Field, max_deg: u32) -> Vec<Poly> {
        let q = field.q();
        let count = q.pow(max_deg + 1);
        (0..count)
            .map(|mut idx| {
                let vals: Vec<u32> = (0..=max_deg)
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d
                    })
                    .collect();
                p(field, &vals)
            })
            .collect()
    }

    #[test]
    fn gcd_exhaustive_over_f2_degree_three() {
        let f = f2();
        let polys = all_polys(&f, 3);
        for a in &polys {
            for b in &polys {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let g = f.poly_gcd(a, b).unwrap();
                assert!(g.is_monic());
                assert_eq!(g, f.poly_gcd(b, a).unwrap());
                assert!(f.poly_rem(a, &g).unwrap().is_zero());
                assert!(f.poly_rem(b, &g).unwrap().is_zero());
            }
        }
        // Associativity on a subset keeps the triple loop cheap.
        let small = all_polys(&f, 2);
        for a in &small {
            for b in &small {
                for c in &small {
                    if a.is_zero() && b.is_zero() || b.is_zero() && c.is_zero() {
                        continue;
                    }
                    let left = f.poly_gcd(&f.poly_gcd(a, b).unwrap(), c).unwrap();
                    let right = f.poly_gcd(a, &f.poly_gcd(b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    fn arb_poly(q: u32) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, 0..8)
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in arb_poly(3), b in arb_poly(3)) {
            let f = Field::prime(3).unwrap();
            let (a, b) = (p(&f, &a), p(&f, &b));
            prop_assume!(!b.is_zero());
            let (q, r) = f.poly_divmod(&a, &b).unwrap();
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
        }

        #[test]
        fn truncation_leaves_only_high_terms(a in arb_poly(5), u in 0i64..8) {
            let f = Field::prime(5).unwrap();
            let a = p(&f, &a);
            let high = f.poly_sub(&a, &truncate_low(&a, u).unwrap());
            prop_assert!(high.divisible_by_x_pow(u as usize + 1));
        }

        #[test]
        fn product_degree_adds(a in arb_poly(7), b in arb_poly(7)) {
            let f = Field::prime(7).unwrap();
            let (a, b) = (p(&f, &a), p(&f, &b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let prod = f.poly_mul(&a, &b);
            prop_assert_eq!(
                prod.degree().finite().unwrap(),
                a.degree().finite().unwrap() + b.degree().finite().unwrap()
            );
        }
    }
}
