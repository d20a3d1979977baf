//! Indexed spaces of polynomial matrices with some coefficients fixed and
//! the rest ranging over F_q.

use std::ops::Range;

use rayon::prelude::*;

use crate::algebra::{Field, FieldElem, Poly};
use crate::polymat::PolyMatrix;

#[derive(Debug, Clone)]
pub(crate) struct MatrixSpace {
    field: Field,
    rows: usize,
    cols: usize,
    // fixed coefficients per entry, row-major, padded to the slot degrees
    base: Vec<Vec<FieldElem>>,
    // (entry, degree) pairs that range over F_q, least significant first
    slots: Vec<(usize, usize)>,
}

impl MatrixSpace {
    /// All `rows x cols` matrices with entries of degree at most the given per-entry bound
    /// (`None` pins the entry to zero).
    pub(crate) fn bounded(
        field: &Field,
        rows: usize,
        cols: usize,
        bound: impl Fn(usize, usize) -> Option<u32>,
    ) -> Self {
        let mut space = MatrixSpace::fixed(&PolyMatrix::zero(field, rows, cols));
        for i in 0..rows {
            for j in 0..cols {
                if let Some(b) = bound(i, j) {
                    for d in 0..=b as usize {
                        space.slots.push((i * cols + j, d));
                    }
                }
            }
        }
        space.pad();
        space
    }

    /// The single matrix `m`; add slots with [`MatrixSpace::free`].
    pub(crate) fn fixed(m: &PolyMatrix) -> Self {
        MatrixSpace {
            field: m.field().clone(),
            rows: m.rows(),
            cols: m.cols(),
            base: m.entries().map(|p| p.coeffs().to_vec()).collect(),
            slots: Vec::new(),
        }
    }

    /// Frees the coefficient of `x^degree` in entry `(i, j)`; its base value is ignored.
    pub(crate) fn free(mut self, i: usize, j: usize, degree: usize) -> Self {
        self.slots.push((i * self.cols + j, degree));
        self.pad();
        self
    }

    fn pad(&mut self) {
        for &(e, d) in &self.slots {
            if self.base[e].len() <= d {
                self.base[e].resize(d + 1, FieldElem::ZERO);
            }
        }
    }

    pub(crate) fn slot_count(&self) -> u64 {
        self.slots.len() as u64
    }

    /// Visits the matrices with indices in `range`, in index order.
    pub(crate) fn scan(&self, range: Range<u64>, mut visit: impl FnMut(&PolyMatrix)) {
        if range.is_empty() {
            return;
        }
        let q = self.field.q() as u64;
        let mut raw = self.base.clone();
        let mut digits = vec![0u32; self.slots.len()];
        let mut idx = range.start;
        for (slot, d) in digits.iter_mut().enumerate() {
            *d = (idx % q) as u32;
            idx /= q;
            let (e, deg) = self.slots[slot];
            raw[e][deg] = self.field.elem(*d).expect("digit below q");
        }
        let entries = raw.iter().map(|c| Poly::from_coeffs(c.clone())).collect();
        let mut m = PolyMatrix::from_flat(&self.field, self.rows, self.cols, entries);
        let mut dirty: Vec<usize> = Vec::with_capacity(self.slots.len());
        for _ in range {
            if !dirty.is_empty() {
                for &e in &dirty {
                    m.set(
                        e / self.cols,
                        e % self.cols,
                        Poly::from_coeffs(raw[e].clone()),
                    );
                }
            }
            visit(&m);
            // advance the odometer
            dirty.clear();
            for (slot, d) in digits.iter_mut().enumerate() {
                let (e, deg) = self.slots[slot];
                *d += 1;
                let wrapped = *d as u64 == q;
                if wrapped {
                    *d = 0;
                }
                raw[e][deg] = self.field.elem(*d).expect("digit below q");
                if dirty.last() != Some(&e) {
                    dirty.push(e);
                }
                if !wrapped {
                    break;
                }
            }
        }
    }

    /// Splits the full index space into `partitions` contiguous shards, folds
    /// each in parallel and returns the per-shard results in shard order.
    pub(crate) fn par_fold<T, Make, Visit>(
        &self,
        partitions: usize,
        make: Make,
        visit: Visit,
    ) -> Vec<T>
    where
        T: Send,
        Make: Fn() -> T + Sync,
        Visit: Fn(&mut T, &PolyMatrix) + Sync,
    {
        let total = (self.field.q() as u64).pow(self.slots.len() as u32);
        shard_ranges(total, partitions)
            .into_par_iter()
            .map(|range| {
                let mut acc = make();
                self.scan(range, |m| visit(&mut acc, m));
                acc
            })
            .collect()
    }
}

pub(crate) fn shard_ranges(total: u64, partitions: usize) -> Vec<Range<u64>> {
    let parts = partitions.max(1) as u64;
    let step = total.div_ceil(parts).max(1);
    (0..parts)
        .map(|p| (p * step).min(total)..((p + 1) * step).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}
