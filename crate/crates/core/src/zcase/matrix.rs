//! Small integer matrices with Hermite and Smith normal forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::new(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        (0..m.n).map(|i| m.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(IntMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn from_2x2(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix {
            n: 2,
            entries: vec![a, b, c, d],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let mut entries = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        IntMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Squared Frobenius norm, exact.
    pub fn norm_sq(&self) -> i128 {
        self.entries
            .iter()
            .map(|&e| (e as i128) * (e as i128))
            .sum()
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&v| v as i128).collect())
            .collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn mat_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "{0}x{0} times {1}x{1}",
                self.n, other.n
            )));
        }
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).map(|l| self.get(i, l) * other.get(l, j)).sum();
            }
        }
        Ok(IntMatrix { n, entries })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// `row_target -= factor * row_source`.
    fn sub_row(&mut self, target: usize, source: usize, factor: i64) {
        for j in 0..self.n {
            let v = self.get(target, j) - factor * self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, factor: i64) {
        for i in 0..self.n {
            let v = self.get(i, target) - factor * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.n {
            self.set(i, j, -self.get(i, j));
        }
    }
}

/// Canonical representative of the left `SL_n(Z)` orbit of a matrix with
/// positive determinant: upper triangular, positive diagonal, entries above
/// the diagonal reduced into `[0, d_j)`.
///
/// Row swaps and sign flips are used freely; for positive determinant the
/// `GL_n(Z)` and `SL_n(Z)` orbits coincide because a determinant `-1`
/// transform would make the determinant negative.
pub fn hnf_int(m: &IntMatrix) -> Result<IntMatrix> {
    if m.det() <= 0 {
        return Err(Error::NonPositiveDeterminant);
    }
    let n = m.n();
    let mut h = m.clone();
    for col in 0..n {
        loop {
            let pivot = (col..n)
                .filter(|&i| h.get(i, col) != 0)
                .min_by_key(|&i| (h.get(i, col).abs(), i));
            let pivot = pivot.expect("nonsingular");
            h.swap_rows(pivot, col);
            let mut done = true;
            for i in col + 1..n {
                let f = h.get(i, col).div_euclid(h.get(col, col));
                h.sub_row(i, col, f);
                if h.get(i, col) != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(col, col) < 0 {
            h.negate_row(col);
        }
        let d = h.get(col, col);
        for i in 0..col {
            let f = h.get(i, col).div_euclid(d);
            h.sub_row(i, col, f);
        }
    }
    Ok(h)
}

/// Smith normal form `diag(s_1, ..., s_n)` with `s_i > 0` and `s_i | s_{i+1}`.
pub fn snf_int(m: &IntMatrix) -> Result<IntMatrix> {
    if m.det() == 0 {
        return Err(Error::SingularMatrix);
    }
    let n = m.n();
    let mut a = m.clone();
    for t in 0..n {
        loop {
            let (pi, pj) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a.get(i, j) != 0)
                .min_by_key(|&(i, j)| (a.get(i, j).abs(), i, j))
                .expect("nonsingular");
            a.swap_rows(pi, t);
            a.swap_cols(pj, t);
            let p = a.get(t, t);
            let mut clean = true;
            for i in t + 1..n {
                let f = a.get(i, t).div_euclid(p);
                a.sub_row(i, t, f);
                clean &= a.get(i, t) == 0;
            }
            for j in t + 1..n {
                let f = a.get(t, j).div_euclid(p);
                a.sub_col(j, t, f);
                clean &= a.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a.get(i, j) % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        let v = a.get(t, j) + a.get(i, j);
                        a.set(t, j, v);
                    }
                }
                None => break,
            }
        }
    }
    Ok(IntMatrix::diagonal(
        &a.diag().iter().map(|d| d.abs()).collect::<Vec<_>>(),
    ))
}

/// Every left Hermite form of size `n` with determinant `det`, listed by
/// diagonal factorisation and then by the entries above the diagonal.
pub fn hnf_int_reps(n: usize, det: u64) -> Result<Vec<IntMatrix>> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(n));
    }
    if det == 0 {
        return Err(Error::NonPositiveDeterminant);
    }
    let mut out = Vec::new();
    for diag in ordered_factorisations(det, n) {
        // slots above the diagonal, each ranging over [0, d_j)
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let total: u64 = slots.iter().map(|&(_, j)| diag[j]).product();
        for mut idx in 0..total {
            let mut m = IntMatrix::diagonal(&diag.iter().map(|&d| d as i64).collect::<Vec<_>>());
            for &(i, j) in &slots {
                m.set(i, j, (idx % diag[j]) as i64);
                idx /= diag[j];
            }
            out.push(m);
        }
    }
    Ok(out)
}

fn ordered_factorisations(value: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![value]];
    }
    let mut out = Vec::new();
    for d in (1..=value).filter(|d| value.is_multiple_of(*d)) {
        for mut rest in ordered_factorisations(value / d, parts - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_examples() {
        let d = IntMatrix::diagonal(&[1, 4]);
        assert_eq!(hnf_int(&d).unwrap(), d);
        assert_eq!(
            hnf_int(&IntMatrix::from_2x2(2, 3, 0, 2)).unwrap(),
            IntMatrix::from_2x2(2, 1, 0, 2)
        );
        assert_eq!(
            hnf_int(&IntMatrix::from_2x2(0, -4, 1, 0)).unwrap(),
            IntMatrix::diagonal(&[1, 4])
        );
        assert_eq!(
            hnf_int(&IntMatrix::from_2x2(0, 1, 1, 0)),
            Err(Error::NonPositiveDeterminant)
        );
    }

    #[test]
    fn snf_examples() {
        let d = IntMatrix::diagonal(&[2, 2]);
        assert_eq!(snf_int(&d).unwrap(), d);
        assert_eq!(
            snf_int(&IntMatrix::from_2x2(1, 2, 0, 4)).unwrap(),
            IntMatrix::diagonal(&[1, 4])
        );
        assert_eq!(
            snf_int(&IntMatrix::from_2x2(2, 1, 0, 2)).unwrap(),
            IntMatrix::diagonal(&[1, 4])
        );
        assert_eq!(
            snf_int(&IntMatrix::from_2x2(1, 2, 2, 4)),
            Err(Error::SingularMatrix)
        );
        let m = IntMatrix::new(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(snf_int(&m).unwrap(), IntMatrix::diagonal(&[2, 6, 12]));
    }

    #[test]
    fn determinant() {
        assert_eq!(IntMatrix::from_2x2(1, 2, 3, 4).det(), -2);
        let m = IntMatrix::new(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(m.det(), -144);
        assert_eq!(
            IntMatrix::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])
                .unwrap()
                .det(),
            -1
        );
    }

    #[test]
    fn det_four_representatives() {
        let reps = hnf_int_reps(2, 4).unwrap();
        assert_eq!(reps.len(), 7);
        for r in &reps {
            assert_eq!(&hnf_int(r).unwrap(), r);
        }
        assert_eq!(hnf_int_reps(3, 2).unwrap().len(), 7);
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_2x2(1, -3, 0, 4);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,-3],[0,4]]");
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<IntMatrix>("[[1,2]]").is_err());
    }
}
