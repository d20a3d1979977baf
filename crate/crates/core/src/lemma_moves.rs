//! Moves on upper-triangular matrices that keep the number of degree-bounded
//! orbit members fixed, with enumeration checks of that claim.
//!
//! Positions `l0` are 1-based, matching the row and column numbering
//! `d_1, ..., d_n` of the diagonal.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{truncate_low, Degree, Field, Poly};
use crate::error::{Error, Result};
use crate::oracle::{count_orbit_bruteforce, count_orbit_lattice, g_set, EnumerationBudget};
use crate::polymat::{adjugate, det, hnf_matrix, reduce_column_above, PolyMatrix};
use crate::report::serialize_decimal;

/// Scans up to this many matrices before switching to the transform solver.
const SCAN_LIMIT: u64 = 1 << 16;

fn require_triangular(m: &PolyMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if !m.is_upper_triangular() {
        return Err(Error::NotTriangular);
    }
    Ok(())
}

fn check_index(m: &PolyMatrix, l0: usize, min: usize) -> Result<usize> {
    if l0 < min || l0 > m.rows() {
        return Err(Error::BadIndex(l0));
    }
    Ok(l0 - 1)
}

fn finite_degree(p: &Poly) -> Result<u32> {
    p.degree().finite().ok_or(Error::SingularMatrix)
}

/// The Hermite form: an upper-triangular member of the same left orbit.
pub fn triangularize(m: &PolyMatrix) -> Result<PolyMatrix> {
    hnf_matrix(m)
}

/// Replaces `m_{i,l0}` by `m_{i,l0} - T_{deg d_i}(m_{i,l0})` for `i < l0`.
pub fn truncation_move(m: &PolyMatrix, l0: usize) -> Result<PolyMatrix> {
    require_triangular(m)?;
    let c = check_index(m, l0, 2)?;
    let f = m.field();
    let mut out = m.clone();
    for i in 0..c {
        let d = finite_degree(m.get(i, i))?;
        let entry = m.get(i, c);
        out.set(i, c, f.poly_sub(entry, &truncate_low(entry, d as i64)?));
    }
    Ok(out)
}

/// Replaces `m_{l0,l0}` by `m_{l0,l0} - T_{deg d_1 + 1}(m_{l0,l0})`.
pub fn diag_truncate_move(m: &PolyMatrix, l0: usize) -> Result<PolyMatrix> {
    require_triangular(m)?;
    let c = check_index(m, l0, 2)?;
    let f = m.field();
    let cut = finite_degree(m.get(0, 0))? + 1;
    let entry = m.get(c, c);
    if entry.degree() <= cut {
        return Err(Error::DegreeTooSmall);
    }
    let mut out = m.clone();
    out.set(c, c, f.poly_sub(entry, &truncate_low(entry, cut as i64)?));
    Ok(out)
}

/// Row operations bringing every entry above `(l0, l0)` below the pivot's degree.
///
/// Columns left of `l0` and the diagonal are untouched; columns right of
/// `l0` change with the rows they belong to.
pub fn reduce_above(m: &PolyMatrix, l0: usize) -> Result<PolyMatrix> {
    require_triangular(m)?;
    let c = check_index(m, l0, 1)?;
    let mut out = m.clone();
    reduce_column_above(&mut out, None, c)?;
    Ok(out)
}

/// Permutation matrix of the transposition of positions `a` and `b` (1-based).
pub fn transposition(field: &Field, n: usize, a: usize, b: usize) -> Result<PolyMatrix> {
    for idx in [a, b] {
        if idx == 0 || idx > n {
            return Err(Error::BadIndex(idx));
        }
    }
    let mut p = PolyMatrix::identity(field, n);
    p.swap_rows(a - 1, b - 1);
    Ok(p)
}

/// `h m h^-1` for an invertible constant matrix `h`.
pub fn conjugate_const(m: &PolyMatrix, h: &PolyMatrix) -> Result<PolyMatrix> {
    if !h.is_square() || h.rows() != m.rows() || !m.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} by {}x{}",
            m.rows(),
            m.cols(),
            h.rows(),
            h.cols()
        )));
    }
    if h.field() != m.field() {
        return Err(Error::MixedFields);
    }
    if !h.is_constant() {
        return Err(Error::NotConstant);
    }
    let f = h.field();
    let d = det(h)?;
    if d.is_zero() {
        return Err(Error::SingularConjugator);
    }
    let scale = f.inv(d.coeff(0))?;
    let adj = adjugate(h)?;
    let mut inv = adj.clone();
    for i in 0..adj.rows() {
        for j in 0..adj.cols() {
            inv.set(i, j, f.poly_scale(adj.get(i, j), scale));
        }
    }
    h.mat_mul(m)?.mat_mul(&inv)
}

/// Which structural conditions on `(m, l0)` hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SConditions {
    /// The upper-left `(l0-1)`-block is diagonal with nonzero diagonal.
    pub leading_block_diagonal: bool,
    /// `deg d_1 <= ... <= deg d_{l0-1}`.
    pub diagonal_degrees_ascending: bool,
    /// `x^(deg d_i + 1)` divides `m_{i,l0}` for `i < l0`.
    pub column_divisible: bool,
    /// `deg m_{i,l0} < deg m_{l0,l0}` for `i < l0`.
    pub above_pivot_reduced: bool,
    /// `x^(deg d_1 + 1)` divides every entry of column `l0`.
    pub column_divisible_by_first: bool,
}

impl SConditions {
    pub fn all(&self) -> bool {
        self.leading_block_diagonal
            && self.diagonal_degrees_ascending
            && self.column_divisible
            && self.above_pivot_reduced
            && self.column_divisible_by_first
    }
}

#[allow(non_snake_case)]
pub fn check_S_conditions(m: &PolyMatrix, l0: usize) -> Result<SConditions> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let c = check_index(m, l0, 1)?;
    if det(m)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let diag: Vec<Degree> = (0..m.rows()).map(|i| m.get(i, i).degree()).collect();
    let divides = |i: usize, p: &Poly| match diag[i] {
        Degree::Finite(d) => p.divisible_by_x_pow(d as usize + 1),
        Degree::NegInf => false,
    };
    let leading_block_diagonal = (0..c)
        .all(|i| diag[i] != Degree::NegInf && (0..c).all(|j| i == j || m.get(i, j).is_zero()));
    let diagonal_degrees_ascending = (1..c).all(|i| diag[i - 1] <= diag[i]);
    let column_divisible = (0..c).all(|i| divides(i, m.get(i, c)));
    let above_pivot_reduced = (0..c).all(|i| m.get(i, c).degree() < diag[c]);
    let column_divisible_by_first = (0..m.rows()).all(|i| divides(0, m.get(i, c)));
    Ok(SConditions {
        leading_block_diagonal,
        diagonal_degrees_ascending,
        column_divisible,
        above_pivot_reduced,
        column_divisible_by_first,
    })
}

/// Which move produced `after` from `before`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MoveKind {
    Identity,
    Triangularize,
    Truncation {
        l0: usize,
    },
    DiagTruncate {
        l0: usize,
    },
    ReduceAbove {
        l0: usize,
    },
    /// Conjugation by the transposition of positions `a` and `b`.
    Transposition {
        a: usize,
        b: usize,
    },
    Conjugate,
}

impl MoveKind {
    pub fn apply(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        match *self {
            MoveKind::Identity => Ok(m.clone()),
            MoveKind::Triangularize => triangularize(m),
            MoveKind::Truncation { l0 } => truncation_move(m, l0),
            MoveKind::DiagTruncate { l0 } => diag_truncate_move(m, l0),
            MoveKind::ReduceAbove { l0 } => reduce_above(m, l0),
            MoveKind::Transposition { a, b } => {
                conjugate_const(m, &transposition(m.field(), m.rows(), a, b)?)
            }
            MoveKind::Conjugate => Err(Error::InvalidParams(
                "conjugation needs an explicit matrix".into(),
            )),
        }
    }
}

/// How an orbit count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// Full scan of the degree-bounded space.
    Scan,
    /// Solving for the transform, see [`count_orbit_lattice`].
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KCount {
    pub k: u32,
    #[serde(serialize_with = "serialize_decimal")]
    pub count_before: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub count_after: BigUint,
    pub method: CountMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub before: PolyMatrix,
    pub after: PolyMatrix,
    #[serde(rename = "move")]
    pub move_kind: MoveKind,
    pub counts_checked: Vec<KCount>,
}

impl MoveRecord {
    pub fn preserved(&self) -> bool {
        self.counts_checked
            .iter()
            .all(|c| c.count_before == c.count_after)
    }
}

/// Number of orbit members of entry degree at most `k`, by scan when cheap
/// and by the transform solver otherwise.
pub fn orbit_count(
    m: &PolyMatrix,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<(BigUint, CountMethod)> {
    let n = m.rows() as u64;
    let small = budget
        .admit(m.field().q(), n * n * (k as u64 + 1))
        .is_ok_and(|c| c <= SCAN_LIMIT);
    if small {
        Ok((count_orbit_bruteforce(m, k, budget)?, CountMethod::Scan))
    } else {
        Ok((count_orbit_lattice(m, k, budget)?, CountMethod::Lattice))
    }
}

fn det_degree(m: &PolyMatrix) -> Result<u32> {
    det(m)?
        .degree()
        .finite()
        .ok_or(Error::SingularRepresentative)
}

/// Compares the degree-bounded orbit counts of `before` and `after` for each `k`.
pub fn verify_count_preservation(
    before: &PolyMatrix,
    after: &PolyMatrix,
    move_kind: MoveKind,
    k_range: RangeInclusive<u32>,
    budget: &EnumerationBudget,
) -> Result<MoveRecord> {
    if !before.is_square() || before.rows() != after.rows() || before.cols() != after.cols() {
        return Err(Error::ShapeMismatch(
            "before and after differ in shape".into(),
        ));
    }
    if before.field() != after.field() {
        return Err(Error::MixedFields);
    }
    let (tb, ta) = (det_degree(before)?, det_degree(after)?);
    if tb != ta {
        return Err(Error::InvariantViolation(format!(
            "move changed deg det from {tb} to {ta}"
        )));
    }
    let mut counts_checked = Vec::new();
    for k in k_range {
        let (count_before, method) = orbit_count(before, k, budget)?;
        let count_after = if before == after {
            count_before.clone()
        } else {
            orbit_count(after, k, budget)?.0
        };
        counts_checked.push(KCount {
            k,
            count_before,
            count_after,
            method,
        });
    }
    Ok(MoveRecord {
        before: before.clone(),
        after: after.clone(),
        move_kind,
        counts_checked,
    })
}

/// Whether `{g : g m` has entries of degree at most `k}` is the same set for
/// both matrices (restricted to `g` with `g m` in the orbit of `m`).
pub fn g_sets_equal(
    before: &PolyMatrix,
    after: &PolyMatrix,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<bool> {
    let a: BTreeSet<PolyMatrix> = g_set(before, k, budget)?;
    let b: BTreeSet<PolyMatrix> = g_set(after, k, budget)?;
    Ok(a == b)
}

/// Every nonsingular upper-triangular `n x n` matrix with entries of degree
/// at most `max_deg`, in scan order.
pub fn triangular_fixtures(
    field: &Field,
    n: usize,
    max_deg: u32,
    budget: &EnumerationBudget,
) -> Result<Vec<PolyMatrix>> {
    let slots = (n * (n + 1) / 2) as u64 * (max_deg as u64 + 1);
    let total = budget.admit(field.q(), slots)?;
    let q = field.q() as u64;
    let width = max_deg as usize + 1;
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut m = PolyMatrix::zero(field, n, n);
        for i in 0..n {
            for j in i..n {
                let coeffs = (0..width)
                    .map(|_| {
                        let v = (idx % q) as u32;
                        idx /= q;
                        field.elem(v).expect("digit below q")
                    })
                    .collect();
                m.set(i, j, Poly::from_coeffs(coeffs));
            }
        }
        if (0..n).all(|i| !m.get(i, i).is_zero()) {
            out.push(m);
        }
    }
    Ok(out)
}

/// The truncation-type moves that apply to `m` and change it.
pub fn applicable_truncations(m: &PolyMatrix) -> Vec<MoveKind> {
    let mut moves = Vec::new();
    for l0 in 2..=m.rows() {
        for mv in [MoveKind::Truncation { l0 }, MoveKind::DiagTruncate { l0 }] {
            if let Ok(after) = mv.apply(m) {
                if &after != m {
                    moves.push(mv);
                }
            }
        }
    }
    moves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::same_orbit;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn mat(v: Vec<Vec<Vec<u32>>>) -> PolyMatrix {
        PolyMatrix::from_values(&f2(), &v).unwrap()
    }

    #[test]
    fn triangularize_examples() {
        let m = mat(vec![vec![vec![], vec![1]], vec![vec![0, 1], vec![]]]);
        assert_eq!(
            triangularize(&m).unwrap(),
            mat(vec![vec![vec![0, 1], vec![]], vec![vec![], vec![1]]])
        );
        let h = mat(vec![vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        assert_eq!(triangularize(&h).unwrap(), h);
    }

    #[test]
    fn truncation_examples() {
        let m = mat(vec![vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        assert_eq!(
            truncation_move(&m, 2).unwrap(),
            mat(vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 1]]])
        );
        let m = mat(vec![
            vec![vec![0, 1], vec![1, 0, 1]],
            vec![vec![], vec![0, 1]],
        ]);
        assert_eq!(
            truncation_move(&m, 2).unwrap(),
            mat(vec![
                vec![vec![0, 1], vec![0, 0, 1]],
                vec![vec![], vec![0, 1]]
            ])
        );
        let fixed = mat(vec![
            vec![vec![0, 1], vec![0, 0, 1]],
            vec![vec![], vec![0, 1]],
        ]);
        assert_eq!(truncation_move(&fixed, 2).unwrap(), fixed);
        assert_eq!(truncation_move(&fixed, 1), Err(Error::BadIndex(1)));
        let lower = mat(vec![vec![vec![1], vec![]], vec![vec![1], vec![1]]]);
        assert_eq!(truncation_move(&lower, 2), Err(Error::NotTriangular));
    }

    #[test]
    fn diag_truncate_examples() {
        let m = mat(vec![
            vec![vec![0, 1], vec![]],
            vec![vec![], vec![0, 1, 0, 1]],
        ]);
        assert_eq!(
            diag_truncate_move(&m, 2).unwrap(),
            mat(vec![
                vec![vec![0, 1], vec![]],
                vec![vec![], vec![0, 0, 0, 1]]
            ])
        );
        let m = mat(vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 0, 1]]]);
        assert_eq!(diag_truncate_move(&m, 2), Err(Error::DegreeTooSmall));
        let high = mat(vec![vec![vec![1], vec![]], vec![vec![], vec![0, 0, 1]]]);
        assert_eq!(diag_truncate_move(&high, 2).unwrap(), high);
    }

    #[test]
    fn reduce_above_examples() {
        let m = mat(vec![
            vec![vec![1], vec![0, 0, 1]],
            vec![vec![], vec![0, 0, 1]],
        ]);
        assert_eq!(
            reduce_above(&m, 2).unwrap(),
            mat(vec![vec![vec![1], vec![]], vec![vec![], vec![0, 0, 1]]])
        );
        let m = mat(vec![
            vec![vec![0, 1], vec![0, 0, 0, 1]],
            vec![vec![], vec![0, 0, 1]],
        ]);
        assert_eq!(
            reduce_above(&m, 2).unwrap(),
            mat(vec![vec![vec![0, 1], vec![]], vec![vec![], vec![0, 0, 1]]])
        );
        let small = mat(vec![vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 0, 1]]]);
        assert_eq!(reduce_above(&small, 2).unwrap(), small);
        let zero_pivot = mat(vec![vec![vec![1], vec![1]], vec![vec![], vec![]]]);
        assert_eq!(reduce_above(&zero_pivot, 2), Err(Error::ZeroPivot));
    }

    #[test]
    fn conjugation_examples() {
        let f = f2();
        let m = PolyMatrix::diagonal(&f, &[Poly::one(), Poly::x()]);
        assert_eq!(
            conjugate_const(&m, &PolyMatrix::identity(&f, 2)).unwrap(),
            m
        );
        let swap = transposition(&f, 2, 1, 2).unwrap();
        assert_eq!(
            conjugate_const(&m, &swap).unwrap(),
            PolyMatrix::diagonal(&f, &[Poly::x(), Poly::one()])
        );
        let f3 = Field::prime(3).unwrap();
        let a = PolyMatrix::from_values(
            &f3,
            &[
                vec![vec![1], vec![2, 1], vec![0, 1]],
                vec![vec![], vec![1, 1], vec![2]],
                vec![vec![1, 0, 1], vec![], vec![0, 2]],
            ],
        )
        .unwrap();
        let p = transposition(&f3, 3, 1, 3).unwrap();
        let c = conjugate_const(&a, &p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = |x: usize| [2, 1, 0][x];
                assert_eq!(c.get(s(i), s(j)), a.get(i, j));
            }
        }
        assert_eq!(conjugate_const(&m, &m), Err(Error::NotConstant));
        assert_eq!(
            conjugate_const(&m, &PolyMatrix::zero(&f, 2, 2)),
            Err(Error::SingularConjugator)
        );
    }

    #[test]
    fn s_condition_examples() {
        let f = f2();
        let x = |d: usize| Poly::monomial(crate::FieldElem::ONE, d);
        let d = PolyMatrix::diagonal(&f, &[x(1), x(2), x(3)]);
        assert!(check_S_conditions(&d, 3).unwrap().all());
        let d = PolyMatrix::diagonal(&f, &[x(2), x(1), x(0)]);
        assert!(
            !check_S_conditions(&d, 3)
                .unwrap()
                .diagonal_degrees_ascending
        );
        let m = mat(vec![
            vec![vec![0, 1], vec![1]],
            vec![vec![], vec![0, 0, 0, 1]],
        ]);
        let s = check_S_conditions(&m, 2).unwrap();
        assert!(!s.column_divisible);
        assert!(s.above_pivot_reduced);
        assert_eq!(check_S_conditions(&m, 3), Err(Error::BadIndex(3)));
    }

    #[test]
    fn move_outputs_meet_their_conditions() {
        let f = f2();
        let b = EnumerationBudget::default();
        for m in triangular_fixtures(&f, 2, 3, &b).unwrap() {
            let t = det_degree(&m).unwrap();
            let after = truncation_move(&m, 2).unwrap();
            assert_eq!(det_degree(&after).unwrap(), t);
            assert!(check_S_conditions(&after, 2).unwrap().column_divisible);
            if let Ok(after2) = diag_truncate_move(&after, 2) {
                assert_eq!(det_degree(&after2).unwrap(), t);
                assert!(
                    check_S_conditions(&after2, 2)
                        .unwrap()
                        .column_divisible_by_first
                );
            }
            let r = reduce_above(&m, 2).unwrap();
            assert!(same_orbit(&m, &r).unwrap());
            assert!(check_S_conditions(&r, 2).unwrap().above_pivot_reduced);
        }
    }

    #[test]
    fn count_preservation_examples() {
        let f = f2();
        let b = EnumerationBudget::default();
        let before = mat(vec![vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        let after = truncation_move(&before, 2).unwrap();
        let rec =
            verify_count_preservation(&before, &after, MoveKind::Truncation { l0: 2 }, 2..=3, &b)
                .unwrap();
        assert!(rec.preserved());
        assert_eq!(rec.counts_checked.len(), 2);
        let same =
            verify_count_preservation(&before, &before, MoveKind::Identity, 2..=2, &b).unwrap();
        assert!(same.preserved());
        let d1 = PolyMatrix::diagonal(&f, &[Poly::one(), Poly::monomial(crate::FieldElem::ONE, 2)]);
        let d2 = PolyMatrix::diagonal(&f, &[Poly::x(), Poly::x()]);
        let rec = verify_count_preservation(&d1, &d2, MoveKind::Conjugate, 2..=2, &b).unwrap();
        assert_eq!(rec.counts_checked[0].count_before, BigUint::from(24u32));
        assert_eq!(rec.counts_checked[0].count_after, BigUint::from(24u32));
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["move"]["op"], "conjugate");
        assert_eq!(json["counts_checked"][0]["count_before"], "24");
    }

    #[test]
    fn truncation_keeps_g_sets_on_small_example() {
        let b = EnumerationBudget::default();
        let before = mat(vec![vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        let after = truncation_move(&before, 2).unwrap();
        for k in 1..=2 {
            let a = g_set(&before, k, &b).unwrap();
            let c = g_set(&after, k, &b).unwrap();
            assert_eq!(a.len(), c.len());
        }
    }
}
