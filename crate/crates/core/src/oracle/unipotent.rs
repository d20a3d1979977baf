//! Scans of `GL_n(F_q)` and of the unipotent-at-zero sets `P`, `Q^i`, `R^i`.

use num_bigint::BigUint;

use super::linalg::rank;
use super::space::MatrixSpace;
use super::EnumerationBudget;
use crate::algebra::{Degree, Field, FieldElem};
use crate::counting::BoundVector;
use crate::error::{Error, Result};
use crate::polymat::{det, PolyMatrix};

/// `#GL_n(F_q)` by listing every constant matrix.
pub fn gl_count_bruteforce(field: &Field, n: usize, budget: &EnumerationBudget) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    budget.admit(field.q(), (n * n) as u64)?;
    let space = MatrixSpace::bounded(field, n, n, |_, _| Some(0));
    let parts = space.par_fold(
        budget.partitions,
        || 0u64,
        |acc, m| {
            if det(m).expect("square").degree() == Degree::Finite(0) {
                *acc += 1;
            }
        },
    );
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Matrices `I + A_1 x + ... ` with column `j` of degree at most `k_j`.
fn p_space(bounds: &BoundVector, field: &Field, budget: &EnumerationBudget) -> Result<MatrixSpace> {
    let n = bounds.n();
    budget.admit(field.q(), n as u64 * bounds.sum() as u64)?;
    let mut space = MatrixSpace::fixed(&PolyMatrix::identity(field, n));
    for i in 0..n {
        for (j, &k) in bounds.as_slice().iter().enumerate() {
            for d in 1..=k as usize {
                space = space.free(i, j, d);
            }
        }
    }
    Ok(space)
}

fn leading_layers(m: &PolyMatrix, bounds: &BoundVector) -> Vec<Vec<FieldElem>> {
    bounds
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, &k)| m.column_layer(j, k as usize))
        .collect()
}

fn is_unimodular(m: &PolyMatrix) -> bool {
    det(m).expect("square").is_unit()
}

/// `#P`: unimodular matrices with constant term `I` and per-column degree bounds.
///
/// Also asserts on every member that the leading layers are linearly
/// dependent whenever some bound is positive.
pub fn count_p_bruteforce(
    bounds: &BoundVector,
    field: &Field,
    budget: &EnumerationBudget,
) -> Result<BigUint> {
    let space = p_space(bounds, field, budget)?;
    let check = bounds.sum() >= 1;
    let parts = space.par_fold(
        budget.partitions,
        || (0u64, 0u64),
        |acc, m| {
            if is_unimodular(m) {
                acc.0 += 1;
                if check && rank(field, &leading_layers(m, bounds)) == bounds.n() {
                    acc.1 += 1;
                }
            }
        },
    );
    let violations: u64 = parts.iter().map(|p| p.1).sum();
    if violations > 0 {
        return Err(Error::InvariantViolation(format!(
            "{violations} members of P at {bounds} have independent leading layers"
        )));
    }
    Ok(parts.into_iter().map(|p| BigUint::from(p.0)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrKind {
    Q,
    R,
}

/// One pass over `P` recording, for each 1-based `i`, the sizes of `Q^i` and `R^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrScan {
    pub p: BigUint,
    /// `q_counts[i - 1] = #Q^i`.
    pub q_counts: Vec<BigUint>,
    /// `r_counts[i - 1] = #R^i`.
    pub r_counts: Vec<BigUint>,
    /// Members of more than one `Q^j`.
    pub overlaps: u64,
    /// Members of some `R^i` lying in no `Q^j` with `j >= i`.
    pub uncovered: u64,
}

impl QrScan {
    /// `Q^j` pairwise disjoint and `R^i` their union over `j >= i`.
    pub fn disjoint_union_holds(&self) -> bool {
        let n = self.q_counts.len();
        self.overlaps == 0
            && self.uncovered == 0
            && (1..=n)
                .all(|i| self.r_counts[i - 1] == self.q_counts[i - 1..].iter().sum::<BigUint>())
    }
}

#[derive(Clone)]
struct QrAcc {
    p: u64,
    q: Vec<u64>,
    r: Vec<u64>,
    overlaps: u64,
    uncovered: u64,
}

pub fn qr_scan(bounds: &BoundVector, field: &Field, budget: &EnumerationBudget) -> Result<QrScan> {
    let n = bounds.n();
    let space = p_space(bounds, field, budget)?;
    let empty = QrAcc {
        p: 0,
        q: vec![0; n],
        r: vec![0; n],
        overlaps: 0,
        uncovered: 0,
    };
    let parts = space.par_fold(
        budget.partitions,
        || empty.clone(),
        |acc, m| {
            if !is_unimodular(m) {
                return;
            }
            acc.p += 1;
            let layers = leading_layers(m, bounds);
            // dependent[i] for the 0-based family i..n; the empty family is independent
            let dependent: Vec<bool> = (0..=n)
                .map(|i| i < n && rank(field, &layers[i..]) < n - i)
                .collect();
            let in_q: Vec<bool> = (0..n).map(|i| dependent[i] && !dependent[i + 1]).collect();
            for i in 0..n {
                if dependent[i] {
                    acc.r[i] += 1;
                    if !in_q[i..].iter().any(|&b| b) {
                        acc.uncovered += 1;
                    }
                }
                if in_q[i] {
                    acc.q[i] += 1;
                }
            }
            if in_q.iter().filter(|&&b| b).count() > 1 {
                acc.overlaps += 1;
            }
        },
    );
    let mut total = empty;
    for part in parts {
        total.p += part.p;
        total.overlaps += part.overlaps;
        total.uncovered += part.uncovered;
        for i in 0..n {
            total.q[i] += part.q[i];
            total.r[i] += part.r[i];
        }
    }
    Ok(QrScan {
        p: total.p.into(),
        q_counts: total.q.into_iter().map(BigUint::from).collect(),
        r_counts: total.r.into_iter().map(BigUint::from).collect(),
        overlaps: total.overlaps,
        uncovered: total.uncovered,
    })
}

/// `#Q^i` or `#R^i` (1-based `i`) by enumeration of `P`.
pub fn count_qr_bruteforce(
    kind: QrKind,
    i: usize,
    bounds: &BoundVector,
    field: &Field,
    budget: &EnumerationBudget,
) -> Result<BigUint> {
    if i == 0 || i > bounds.n() {
        return Err(Error::BadIndex(i));
    }
    let scan = qr_scan(bounds, field, budget)?;
    Ok(match kind {
        QrKind::Q => scan.q_counts[i - 1].clone(),
        QrKind::R => scan.r_counts[i - 1].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(b: &[u32]) -> BoundVector {
        BoundVector::new(b.to_vec()).unwrap()
    }

    #[test]
    fn gl_small() {
        let b = EnumerationBudget::default();
        assert_eq!(
            gl_count_bruteforce(&Field::prime(2).unwrap(), 2, &b).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            gl_count_bruteforce(&Field::prime(2).unwrap(), 3, &b).unwrap(),
            BigUint::from(168u32)
        );
        assert_eq!(
            gl_count_bruteforce(&Field::prime(5).unwrap(), 1, &b).unwrap(),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn p_examples() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let b = EnumerationBudget::default();
        assert_eq!(
            count_p_bruteforce(&bv(&[1, 1]), &f2, &b).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(
            count_p_bruteforce(&bv(&[0, 0]), &f3, &b).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            count_p_bruteforce(&bv(&[1, 1, 1]), &f2, &b).unwrap(),
            BigUint::from(64u32)
        );
        assert_eq!(
            count_p_bruteforce(&bv(&[1, 0]), &f3, &b).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn qr_examples() {
        let f2 = Field::prime(2).unwrap();
        let b = EnumerationBudget::default();
        let bounds = bv(&[1, 1]);
        assert_eq!(
            count_qr_bruteforce(QrKind::R, 2, &bounds, &f2, &b).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_qr_bruteforce(QrKind::Q, 2, &bounds, &f2, &b).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_qr_bruteforce(QrKind::R, 1, &bounds, &f2, &b).unwrap(),
            BigUint::from(4u32)
        );
        assert_eq!(
            count_qr_bruteforce(QrKind::Q, 1, &bounds, &f2, &b).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_qr_bruteforce(QrKind::Q, 3, &bounds, &f2, &b),
            Err(Error::BadIndex(3))
        );
        let scan = qr_scan(&bv(&[2, 1, 1]), &f2, &b).unwrap();
        assert!(scan.disjoint_union_holds());
        assert_eq!(scan.r_counts[0], scan.p);
    }

    #[test]
    fn shard_count_does_not_matter() {
        let f3 = Field::prime(3).unwrap();
        let bounds = bv(&[2, 1]);
        let one = qr_scan(
            &bounds,
            &f3,
            &EnumerationBudget::default().with_partitions(1),
        )
        .unwrap();
        for parts in [2, 8] {
            let many = qr_scan(
                &bounds,
                &f3,
                &EnumerationBudget::default().with_partitions(parts),
            )
            .unwrap();
            assert_eq!(one, many);
        }
    }
}
