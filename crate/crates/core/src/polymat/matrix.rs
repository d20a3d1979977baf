use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::algebra::{Degree, Field, FieldElem, FieldSpec, Poly};
use crate::error::{Error, Result};

/// A dense `rows x cols` matrix over F_q[x], stored row-major.
#[derive(Clone)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    field: Field,
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && self.field == other.field
    }
}

impl Eq for PolyMatrix {}

impl Hash for PolyMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.entries.hash(state);
    }
}

impl PartialOrd for PolyMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.entries)
            .cmp(&(other.rows, other.cols, &other.entries))
            .then_with(|| self.field.spec().cmp(other.field.spec()))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] over F_{}", self.field.q())
    }
}

impl PolyMatrix {
    pub fn new(field: &Field, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(
                "matrix must have at least one entry".into(),
            ));
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries: entries.into_iter().flatten().collect(),
            field: field.clone(),
        })
    }

    /// Builds a matrix from canonical coefficient values, e.g. `[[[1],[0,1]],[[],[1]]]`.
    pub fn from_values(field: &Field, values: &[Vec<Vec<u32>>]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| Poly::from_values(field, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(field, entries)
    }

    pub(crate) fn from_flat(field: &Field, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        PolyMatrix {
            rows,
            cols,
            entries,
            field: field.clone(),
        }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        PolyMatrix::from_flat(field, rows, cols, vec![Poly::zero(); rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = PolyMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Poly]) -> Self {
        let n = diag.len();
        let mut m = PolyMatrix::zero(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [Poly] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Degree-`d` coefficients of column `j`.
    pub fn column_layer(&self, j: usize, d: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j).coeff(d)).collect()
    }

    /// The constant matrix of degree-`d` coefficients; `layer(0)` is `A_0`.
    pub fn layer(&self, d: usize) -> Vec<Vec<FieldElem>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.coeff(d)).collect())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    pub fn max_degree(&self) -> Degree {
        self.entries
            .iter()
            .map(Poly::degree)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    /// Every entry has degree at most `k`; zero entries always pass.
    pub fn satisfies_r(&self, k: u32) -> bool {
        self.entries.iter().all(|p| p.degree().at_most(k as i64))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(|p| p.degree().at_most(0))
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = f.poly_add(&acc, &f.poly_mul(a, b));
                    }
                }
                out.push(acc);
            }
        }
        Ok(PolyMatrix::from_flat(f, self.rows, other.cols, out))
    }

    /// Monic gcd of the entries of column `j`.
    pub fn column_gcd(&self, j: usize) -> Result<Poly> {
        if j >= self.cols {
            return Err(Error::BadIndex(j));
        }
        let mut g = Poly::zero();
        for i in 0..self.rows {
            let e = self.get(i, j);
            if e.is_zero() {
                continue;
            }
            g = if g.is_zero() {
                self.field.make_monic(e)
            } else {
                self.field.poly_gcd(&g, e)?
            };
        }
        if g.is_zero() {
            return Err(Error::ZeroColumn(j));
        }
        Ok(g)
    }

    /// `row_target += factor * row_source`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        let f = self.field.clone();
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let v = f.poly_add(self.get(target, j), &f.poly_mul(factor, s));
            self.set(target, j, v);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: FieldElem) {
        let f = self.field.clone();
        for e in self.row_mut(i) {
            *e = f.poly_scale(e, c);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    field: FieldSpec,
    entries: Vec<Vec<Vec<u32>>>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            field: self.field.spec().clone(),
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(Poly::values).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let field = Field::new(raw.field);
        PolyMatrix::from_values(&field, &raw.entries).map_err(serde::de::Error::custom)
    }
}
