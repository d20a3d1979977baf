//! Orbit counts by solving for the transform instead of scanning matrices.
//!
//! `X = g M` with `deg X <= k` forces `deg g <= k + deg adj(M) - deg det M`.
//! Transforms with `g(0) = h` correspond bijectively to those with `g(0) = I`
//! via `g -> h^-1 g`, so only the latter are listed: rows `1..n-1` range over
//! affine spaces cut out by the degree condition, and for each choice the
//! last row satisfies an affine system whose solution count is a power of q.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::linalg::{affine_points, solve};
use super::{gl_count_bruteforce, EnumerationBudget};
use crate::algebra::{Degree, Field, FieldElem, Poly};
use crate::error::{Error, Result};
use crate::polymat::{adjugate, det, PolyMatrix};

/// The `g` with `g * m = x`; fails when `x` is not a left multiple of `m`.
pub fn left_quotient(x: &PolyMatrix, m: &PolyMatrix) -> Result<PolyMatrix> {
    let d = det(m)?;
    if d.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let f = m.field();
    let scaled = x.mat_mul(&adjugate(m)?)?;
    let mut g = PolyMatrix::zero(f, x.rows(), m.rows());
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let (quo, rem) = f.poly_divmod(scaled.get(i, j), &d)?;
            if !rem.is_zero() {
                return Err(Error::InvariantViolation("not a left multiple".into()));
            }
            g.set(i, j, quo);
        }
    }
    Ok(g)
}

fn degree_of(d: Degree) -> usize {
    d.finite().map_or(0, |d| d as usize)
}

struct Layout {
    n: usize,
    width: usize,
}

impl Layout {
    fn vars(&self) -> usize {
        self.n * self.width
    }

    fn at(&self, j: usize, d: usize) -> usize {
        j * self.width + d
    }

    fn row(&self, v: &[FieldElem]) -> Vec<Poly> {
        v.chunks(self.width)
            .map(|c| Poly::from_coeffs(c.to_vec()))
            .collect()
    }
}

/// Equations saying `deg(gamma * m) <= k`, plus `gamma(0) = e_i`.
fn row_system(
    m: &PolyMatrix,
    k: u32,
    lay: &Layout,
    i: usize,
) -> (Vec<Vec<FieldElem>>, Vec<FieldElem>) {
    let n = lay.n;
    let top = lay.width - 1 + degree_of(m.max_degree());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for c in 0..n {
        for e in (k as usize + 1)..=top {
            let mut row = vec![FieldElem::ZERO; lay.vars()];
            for j in 0..n {
                for d in 0..lay.width.min(e + 1) {
                    row[lay.at(j, d)] = m.get(j, c).coeff(e - d);
                }
            }
            a.push(row);
            b.push(FieldElem::ZERO);
        }
    }
    for j in 0..n {
        let mut row = vec![FieldElem::ZERO; lay.vars()];
        row[lay.at(j, 0)] = FieldElem::ONE;
        a.push(row);
        b.push(if i == j {
            FieldElem::ONE
        } else {
            FieldElem::ZERO
        });
    }
    (a, b)
}

/// Signed cofactors of the missing last row: `det g = sum_j g_{n,j} c_j`.
fn last_row_cofactors(field: &Field, rows: &[Vec<Poly>], n: usize) -> Vec<Poly> {
    if n == 1 {
        return vec![Poly::one()];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<Poly>> = rows
                .iter()
                .map(|r| (0..n).filter(|&c| c != j).map(|c| r[c].clone()).collect())
                .collect();
            let d = det(&PolyMatrix::new(field, minor).expect("rectangular rows")).expect("square");
            if (n - 1 + j).is_multiple_of(2) {
                d
            } else {
                field.poly_neg(&d)
            }
        })
        .collect()
}

/// Number of matrices with entries of degree at most `k` in the left orbit of `rep`.
pub fn count_orbit_lattice(
    rep: &PolyMatrix,
    k: u32,
    budget: &EnumerationBudget,
) -> Result<BigUint> {
    if !rep.is_square() {
        return Err(Error::NotSquare);
    }
    let field = rep.field();
    let n = rep.rows();
    let t = match det(rep)?.degree() {
        Degree::NegInf => return Err(Error::SingularRepresentative),
        Degree::Finite(t) => t as i64,
    };
    let adj_deg = degree_of(adjugate(rep)?.max_degree()) as i64;
    let bound = k as i64 + adj_deg - t;
    if bound < 0 {
        return Ok(BigUint::default());
    }
    let lay = Layout {
        n,
        width: bound as usize + 1,
    };

    let mut choices = Vec::with_capacity(n - 1);
    let mut exponent = 0u64;
    for i in 0..n - 1 {
        let (a, b) = row_system(rep, k, &lay, i);
        let Some((base, basis)) = solve(field, &a, &b, lay.vars()) else {
            return Ok(BigUint::default());
        };
        exponent += basis.len() as u64;
        budget.admit(field.q(), exponent)?;
        choices.push((base, basis));
    }
    let choices: Vec<Vec<Vec<Poly>>> = choices
        .iter()
        .map(|(base, basis)| {
            affine_points(field, base, basis)
                .iter()
                .map(|v| lay.row(v))
                .collect()
        })
        .collect();
    let (last_a, last_b) = row_system(rep, k, &lay, n - 1);
    let total: usize = choices.iter().map(Vec::len).product();

    let exponents: Vec<Option<usize>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let rows: Vec<Vec<Poly>> = choices
                .iter()
                .map(|c| {
                    let r = c[idx % c.len()].clone();
                    idx /= c.len();
                    r
                })
                .collect();
            let cof = last_row_cofactors(field, &rows, n);
            let top = lay.width - 1 + cof.iter().map(|c| degree_of(c.degree())).max().unwrap_or(0);
            let mut a = last_a.clone();
            let mut b = last_b.clone();
            for e in 0..=top {
                let mut row = vec![FieldElem::ZERO; lay.vars()];
                for (j, c) in cof.iter().enumerate() {
                    for d in 0..lay.width.min(e + 1) {
                        row[lay.at(j, d)] = c.coeff(e - d);
                    }
                }
                a.push(row);
                b.push(if e == 0 {
                    FieldElem::ONE
                } else {
                    FieldElem::ZERO
                });
            }
            solve(field, &a, &b, lay.vars()).map(|(_, kernel)| kernel.len())
        })
        .collect();

    let q = BigUint::from(field.q());
    let unipotent: BigUint = exponents
        .into_iter()
        .flatten()
        .map(|e| q.pow(e as u32))
        .sum();
    Ok(unipotent * gl_count_bruteforce(field, n, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_orbit_bruteforce;

    #[test]
    fn quotient_recovers_transform() {
        let f = Field::prime(2).unwrap();
        let m = PolyMatrix::from_values(&f, &[vec![vec![0, 1], vec![1]], vec![vec![], vec![1, 1]]])
            .unwrap();
        let g = PolyMatrix::from_values(&f, &[vec![vec![1], vec![0, 1]], vec![vec![], vec![1]]])
            .unwrap();
        let x = g.mat_mul(&m).unwrap();
        assert_eq!(left_quotient(&x, &m).unwrap(), g);
        assert!(left_quotient(&PolyMatrix::identity(&f, 2), &m).is_err());
    }

    #[test]
    fn agrees_with_full_scan() {
        let b = EnumerationBudget::default();
        for q in [2, 3] {
            let f = Field::prime(q).unwrap();
            let reps = [
                PolyMatrix::identity(&f, 2),
                PolyMatrix::diagonal(&f, &[Poly::one(), Poly::x()]),
                PolyMatrix::from_values(&f, &[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]])
                    .unwrap(),
                PolyMatrix::diagonal(&f, &[Poly::x(), Poly::x()]),
            ];
            let kmax = if q == 2 { 2 } else { 1 };
            for rep in &reps {
                for k in 0..=kmax {
                    assert_eq!(
                        count_orbit_lattice(rep, k, &b).unwrap(),
                        count_orbit_bruteforce(rep, k, &b).unwrap(),
                        "q={q} k={k} rep={rep}"
                    );
                }
            }
        }
        let f = Field::prime(2).unwrap();
        let rep = PolyMatrix::diagonal(&f, &[Poly::one(), Poly::one(), Poly::x()]);
        assert_eq!(
            count_orbit_lattice(&rep, 1, &b).unwrap(),
            count_orbit_bruteforce(&rep, 1, &b).unwrap()
        );
    }
}
