//! Dense linear algebra over F_q for the oracles.

use crate::algebra::{Field, FieldElem};

/// Row-reduces `rows` in place to reduced echelon form over the first
/// `ncols` columns and returns the pivot columns.
pub(crate) fn rref(field: &Field, rows: &mut [Vec<FieldElem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a family of vectors.
pub(crate) fn rank(field: &Field, vectors: &[Vec<FieldElem>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut rows = vectors.to_vec();
    rref(field, &mut rows, ncols).len()
}

/// Solutions of `A x = b` as a particular solution plus a kernel basis, or
/// `None` when the system is inconsistent. `a` holds the equations as rows.
pub(crate) fn solve(
    field: &Field,
    a: &[Vec<FieldElem>],
    b: &[FieldElem],
    nvars: usize,
) -> Option<(Vec<FieldElem>, Vec<Vec<FieldElem>>)> {
    let mut rows: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut rows, nvars + 1);
    if pivots.last() == Some(&nvars) {
        return None;
    }
    let mut particular = vec![FieldElem::ZERO; nvars];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][nvars];
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![FieldElem::ZERO; nvars];
            v[f] = FieldElem::ONE;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(rows[r][f]);
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

#[cfg(test)]
/// Basis of `{x : A x = 0}`.
pub(crate) fn kernel(field: &Field, a: &[Vec<FieldElem>], nvars: usize) -> Vec<Vec<FieldElem>> {
    let zeros = vec![FieldElem::ZERO; a.len()];
    solve(field, a, &zeros, nvars)
        .expect("homogeneous systems are consistent")
        .1
}

/// Every vector `base + sum c_l basis_l`, in little-endian order of the `c_l`.
pub(crate) fn affine_points(
    field: &Field,
    base: &[FieldElem],
    basis: &[Vec<FieldElem>],
) -> Vec<Vec<FieldElem>> {
    let q = field.q() as usize;
    let total = q.pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; basis.len()];
    for idx in 0..total {
        if idx > 0 {
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        let mut v = base.to_vec();
        for (c, b) in digits.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            let c = field.elem(*c as u32).expect("digit below q");
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field.add(*x, field.mul(c, y));
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: &Field, xs: &[u32]) -> Vec<FieldElem> {
        xs.iter().map(|&x| field.elem(x).unwrap()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Field::prime(3).unwrap();
        let vs = vec![v(&f, &[1, 2, 0]), v(&f, &[2, 1, 0]), v(&f, &[0, 0, 1])];
        assert_eq!(rank(&f, &vs), 2);
        let ker = kernel(&f, &vs, 3);
        assert_eq!(ker.len(), 1);
        for row in &vs {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inconsistent_systems() {
        let f = Field::prime(2).unwrap();
        let a = vec![v(&f, &[1, 1]), v(&f, &[1, 1])];
        assert!(solve(&f, &a, &v(&f, &[0, 1]), 2).is_none());
        let (part, ker) = solve(&f, &a, &v(&f, &[1, 1]), 2).unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(f.add(part[0], part[1]), FieldElem::ONE);
    }

    #[test]
    fn affine_enumeration_size() {
        let f = Field::prime(3).unwrap();
        let pts = affine_points(&f, &v(&f, &[1, 0]), &[v(&f, &[0, 1])]);
        assert_eq!(pts, vec![v(&f, &[1, 0]), v(&f, &[1, 1]), v(&f, &[1, 2])]);
    }
}
