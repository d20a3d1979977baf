//! Hermite normal form under left multiplication by `GL_n(F_q[x])`.

use serde::Serialize;

use super::matrix::PolyMatrix;
use crate::algebra::{FieldElem, Poly};
use crate::error::{Error, Result};

/// Canonical left-orbit representative `h` with witness `u`, `u * m = h`.
///
/// `h` is upper triangular with monic diagonal, and each entry above the
/// diagonal has degree strictly below the diagonal entry of its column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HermiteForm {
    pub h: PolyMatrix,
    pub u: PolyMatrix,
    /// `deg det h`.
    pub det_degree: u32,
    /// `det u`, a nonzero constant.
    #[serde(skip)]
    pub unit: FieldElem,
}

/// Computes the Hermite normal form of a square nonsingular matrix.
pub fn hnf(m: &PolyMatrix) -> Result<HermiteForm> {
    run(m, true)
}

/// Same canonical form as [`hnf`] but without accumulating the witness.
pub fn hnf_matrix(m: &PolyMatrix) -> Result<PolyMatrix> {
    run(m, false).map(|form| form.h)
}

fn run(m: &PolyMatrix, with_witness: bool) -> Result<HermiteForm> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let field = m.field().clone();
    let mut h = m.clone();
    let mut u = if with_witness {
        PolyMatrix::identity(&field, n)
    } else {
        PolyMatrix::zero(&field, 1, 1)
    };
    let mut unit = FieldElem::ONE;

    for col in 0..n {
        // Euclidean elimination below the diagonal.
        loop {
            let pivot = (col..n)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by_key(|&i| (h.get(i, col).degree(), i));
            let Some(pivot) = pivot else {
                return Err(Error::SingularMatrix);
            };
            if pivot != col {
                h.swap_rows(pivot, col);
                if with_witness {
                    u.swap_rows(pivot, col);
                }
                unit = field.neg(unit);
            }
            let mut done = true;
            for i in col + 1..n {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let (quo, rem) = field.poly_divmod(h.get(i, col), h.get(col, col))?;
                let factor = field.poly_neg(&quo);
                h.add_row_multiple(i, col, &factor);
                if with_witness {
                    u.add_row_multiple(i, col, &factor);
                }
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        let lead = h.get(col, col).leading_coeff();
        if lead != FieldElem::ONE {
            let inv = field.inv(lead)?;
            h.scale_row(col, inv);
            if with_witness {
                u.scale_row(col, inv);
            }
            unit = field.mul(unit, inv);
        }
        reduce_column_above(&mut h, with_witness.then_some(&mut u), col)?;
    }
    let det_degree = (0..n)
        .map(|i| h.get(i, i).degree().finite().expect("nonzero pivot"))
        .sum();
    Ok(HermiteForm {
        h,
        u,
        det_degree,
        unit,
    })
}

/// Reduces the entries above `(col, col)` modulo the pivot using row `col`,
/// mirroring each row operation on `witness` when given.
pub(crate) fn reduce_column_above(
    h: &mut PolyMatrix,
    mut witness: Option<&mut PolyMatrix>,
    col: usize,
) -> Result<()> {
    let field = h.field().clone();
    let pivot = h.get(col, col).clone();
    if pivot.is_zero() {
        return Err(Error::ZeroPivot);
    }
    for i in 0..col {
        let (quo, _) = field.poly_divmod(h.get(i, col), &pivot)?;
        if quo.is_zero() {
            continue;
        }
        let factor = field.poly_neg(&quo);
        h.add_row_multiple(i, col, &factor);
        if let Some(w) = witness.as_deref_mut() {
            w.add_row_multiple(i, col, &factor);
        }
    }
    Ok(())
}

/// True when both matrices generate the same left `GL_n(F_q[x])` orbit.
pub fn same_orbit(a: &PolyMatrix, b: &PolyMatrix) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    Ok(hnf_matrix(a)? == hnf_matrix(b)?)
}

/// Checks the canonical-form conditions on `h`.
pub fn is_canonical(h: &PolyMatrix) -> bool {
    if !h.is_square() || !h.is_upper_triangular() {
        return false;
    }
    (0..h.rows()).all(|j| {
        let d = h.get(j, j);
        !d.is_zero() && d.is_monic() && (0..j).all(|i| h.get(i, j).degree() < d.degree())
    })
}

/// Product of the diagonal entries.
pub(crate) fn diagonal_product(h: &PolyMatrix) -> Poly {
    let f = h.field();
    (0..h.rows()).fold(Poly::one(), |acc, i| f.poly_mul(&acc, h.get(i, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::polymat::det;

    fn m(field: &Field, v: Vec<Vec<Vec<u32>>>) -> PolyMatrix {
        PolyMatrix::from_values(field, &v).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let f = Field::prime(2).unwrap();
        let i = PolyMatrix::identity(&f, 3);
        let form = hnf(&i).unwrap();
        assert_eq!(form.h, i);
        assert_eq!(form.u, i);
        assert_eq!(form.det_degree, 0);
    }

    #[test]
    fn anti_diagonal_swaps() {
        let f = Field::prime(2).unwrap();
        let a = m(&f, vec![vec![vec![], vec![1]], vec![vec![0, 1], vec![]]]);
        let form = hnf(&a).unwrap();
        assert_eq!(form.h, PolyMatrix::diagonal(&f, &[Poly::x(), Poly::one()]));
        assert_eq!(form.u.mat_mul(&a).unwrap(), form.h);
    }

    #[test]
    fn euclidean_steps() {
        let f = Field::prime(2).unwrap();
        let a = m(
            &f,
            vec![vec![vec![1, 1], vec![1]], vec![vec![1], vec![0, 1]]],
        );
        let form = hnf(&a).unwrap();
        let expected = m(
            &f,
            vec![vec![vec![1], vec![0, 1]], vec![vec![], vec![1, 1, 1]]],
        );
        assert_eq!(form.h, expected);
        assert_eq!(form.det_degree, 2);
        assert!(is_canonical(&form.h));
    }

    #[test]
    fn witness_determinant_is_unit() {
        let f = Field::prime(3).unwrap();
        let a = m(
            &f,
            vec![
                vec![vec![2, 1], vec![1], vec![0, 2]],
                vec![vec![1, 1, 1], vec![2], vec![1]],
                vec![vec![0, 1], vec![1, 1], vec![2, 0, 1]],
            ],
        );
        let form = hnf(&a).unwrap();
        assert_eq!(form.u.mat_mul(&a).unwrap(), form.h);
        let du = det(&form.u).unwrap();
        assert!(du.is_unit());
        assert_eq!(du, Poly::constant(form.unit));
    }

    #[test]
    fn errors() {
        let f = Field::prime(2).unwrap();
        let sing = m(
            &f,
            vec![vec![vec![0, 1], vec![0, 1]], vec![vec![1], vec![1]]],
        );
        assert_eq!(hnf(&sing), Err(Error::SingularMatrix));
        let rect = PolyMatrix::zero(&f, 2, 3);
        assert_eq!(hnf(&rect), Err(Error::NotSquare));
    }

    #[test]
    fn orbit_membership() {
        let f = Field::prime(2).unwrap();
        let a = PolyMatrix::diagonal(&f, &[Poly::one(), Poly::x()]);
        let b = PolyMatrix::diagonal(&f, &[Poly::x(), Poly::one()]);
        assert!(!same_orbit(&a, &b).unwrap());
        assert!(same_orbit(&a, &a).unwrap());
        let g = m(&f, vec![vec![vec![1], vec![1, 1]], vec![vec![], vec![1]]]);
        assert!(same_orbit(&a, &g.mat_mul(&a).unwrap()).unwrap());
        assert!(matches!(
            same_orbit(&a, &PolyMatrix::identity(&f, 3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn constant_diagonal_forces_zero_above() {
        let f = Field::prime(3).unwrap();
        let a = m(
            &f,
            vec![vec![vec![0, 1], vec![2, 2, 1]], vec![vec![], vec![2]]],
        );
        let h = hnf(&a).unwrap().h;
        assert!(h.get(0, 1).is_zero());
        assert_eq!(h.get(1, 1), &Poly::one());
    }
}
