use super::hnf::{diagonal_product, hnf};
use super::matrix::PolyMatrix;
use crate::algebra::Poly;
use crate::error::{Error, Result};

/// Largest dimension handled by cofactor expansion.
const COFACTOR_MAX: usize = 5;

/// Exact determinant over F_q[x].
pub fn det(m: &PolyMatrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    if m.rows() <= COFACTOR_MAX {
        Ok(det_cofactor(m))
    } else {
        det_via_hnf(m)
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> Poly {
    let n = m.rows();
    let cols: Vec<usize> = (0..n).collect();
    expand(m, 0, &cols)
}

fn expand(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    let f = m.field();
    match cols.len() {
        1 => m.get(row, cols[0]).clone(),
        2 => {
            let a = f.poly_mul(m.get(row, cols[0]), m.get(row + 1, cols[1]));
            let b = f.poly_mul(m.get(row, cols[1]), m.get(row + 1, cols[0]));
            f.poly_sub(&a, &b)
        }
        _ => {
            let mut acc = Poly::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let entry = m.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = f.poly_mul(entry, &expand(m, row + 1, &rest));
                acc = if pos % 2 == 0 {
                    f.poly_add(&acc, &term)
                } else {
                    f.poly_sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Classical adjoint: `adj(m) * m = m * adj(m) = det(m) I`.
pub fn adjugate(m: &PolyMatrix) -> Result<PolyMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare);
    }
    let n = m.rows();
    let f = m.field();
    if n == 1 {
        return Ok(PolyMatrix::identity(f, 1));
    }
    let mut adj = PolyMatrix::zero(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.get(r, c).clone())
                        .collect()
                })
                .collect();
            let d = det(&PolyMatrix::new(f, minor)?)?;
            adj.set(j, i, if (i + j) % 2 == 0 { d } else { f.poly_neg(&d) });
        }
    }
    Ok(adj)
}

/// Determinant from the Hermite form: `det m = det(h) / det(u)`.
pub fn det_via_hnf(m: &PolyMatrix) -> Result<Poly> {
    match hnf(m) {
        Ok(form) => {
            let f = m.field();
            Ok(f.poly_scale(&diagonal_product(&form.h), f.inv(form.unit)?))
        }
        Err(Error::SingularMatrix) => Ok(Poly::zero()),
        Err(e) => Err(e),
    }
}
