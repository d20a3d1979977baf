//! Formula-against-oracle runs over a parameter grid.
//!
//! Each runner returns one [`CountReport`] per compared value; a run passes
//! when every report does.

use num_bigint::BigUint;

use crate::algebra::Field;
use crate::counting::{
    bound_vectors, orbit_count_formula, p_count_formula, total_count_formula, BoundVector,
    RecursionCache,
};
use crate::error::Result;
use crate::oracle::{
    census_by_det_degree, count_p_bruteforce, enumerate_hnf_reps, orbit_census, qr_scan,
    EnumerationBudget,
};
use crate::report::{params, CountReport};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub budget: EnumerationBudget,
    /// Adds one to every formula value so that every check fails.
    pub inject_mismatch: bool,
}

impl VerifyOptions {
    pub fn new(budget: EnumerationBudget) -> Self {
        VerifyOptions {
            budget,
            inject_mismatch: false,
        }
    }

    fn report(
        &self,
        check: &str,
        p: std::collections::BTreeMap<String, String>,
        formula: BigUint,
        oracle: BigUint,
    ) -> CountReport {
        let formula = if self.inject_mismatch {
            formula + 1u32
        } else {
            formula
        };
        CountReport::checked(check, p, formula, oracle)
    }
}

/// One point of the orbit grid: all `k <= k_max` at this `(q, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitPoint {
    pub q: u32,
    pub n: usize,
    pub k_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub orbit_points: Vec<OrbitPoint>,
    pub lemma2_qs: Vec<u32>,
    pub lemma2_max_n: usize,
    pub lemma2_max_sum: u32,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            orbit_points: vec![
                OrbitPoint {
                    q: 2,
                    n: 2,
                    k_max: 2,
                },
                OrbitPoint {
                    q: 3,
                    n: 2,
                    k_max: 2,
                },
                OrbitPoint {
                    q: 2,
                    n: 3,
                    k_max: 1,
                },
            ],
            lemma2_qs: vec![2, 3],
            lemma2_max_n: 3,
            lemma2_max_sum: 4,
        }
    }
}

/// Every canonical representative with `t <= k` against the single-orbit formula.
pub fn verify_orbits(
    field: &Field,
    n: usize,
    k: u32,
    opts: &VerifyOptions,
) -> Result<Vec<CountReport>> {
    let q = field.q();
    let census = orbit_census(field, n, k, &opts.budget)?;
    let mut out = Vec::new();
    for t in 0..=k {
        let formula = orbit_count_formula(n, q, t, k)?;
        for rep in enumerate_hnf_reps(field, n, t, &opts.budget)? {
            let oracle = census.get(&rep).copied().unwrap_or(0);
            let p = params([
                ("n", n.to_string()),
                ("q", q.to_string()),
                ("t", t.to_string()),
                ("k", k.to_string()),
                ("rep", rep.to_string()),
            ]);
            out.push(opts.report("orbit", p, formula.clone(), oracle.into()));
        }
    }
    Ok(out)
}

/// Determinant-degree buckets against the total-count formula, `t <= k`.
pub fn verify_census(
    field: &Field,
    n: usize,
    k: u32,
    opts: &VerifyOptions,
) -> Result<Vec<CountReport>> {
    let q = field.q();
    let census = census_by_det_degree(field, n, k, &opts.budget)?;
    (0..=k)
        .map(|t| {
            let p = params([
                ("n", n),
                ("q", q as usize),
                ("t", t as usize),
                ("k", k as usize),
            ]);
            Ok(opts.report(
                "census",
                p,
                total_count_formula(n, q, t, k)?,
                census.bucket(t),
            ))
        })
        .collect()
}

/// `#P` by scan against the closed form and against the recursion.
pub fn verify_lemma2(
    field: &Field,
    bounds: &BoundVector,
    opts: &VerifyOptions,
) -> Result<Vec<CountReport>> {
    let q = field.q();
    let oracle = count_p_bruteforce(bounds, field, &opts.budget)?;
    let p = || params([("q", q.to_string()), ("bounds", bounds.to_string())]);
    let cache = RecursionCache::new();
    Ok(vec![
        opts.report("lemma2", p(), p_count_formula(bounds, q)?, oracle.clone()),
        opts.report("lemma2_recursion", p(), cache.p_count(bounds, q)?, oracle),
    ])
}

/// `Q^i` and `R^i` by scan against the recursions, the disjoint-union
/// identity, and the scaling in the first bound.
pub fn verify_recursions(
    field: &Field,
    bounds: &BoundVector,
    opts: &VerifyOptions,
) -> Result<Vec<CountReport>> {
    let q = field.q();
    let n = bounds.n();
    let scan = qr_scan(bounds, field, &opts.budget)?;
    let cache = RecursionCache::new();
    let p = |i: usize| {
        params([
            ("q", q.to_string()),
            ("bounds", bounds.to_string()),
            ("i", i.to_string()),
        ])
    };
    let mut out = Vec::new();
    for i in 1..=n {
        if bounds.tail_descending_positive(i) {
            out.push(opts.report(
                "q_recursion",
                p(i),
                cache.q_count(i, bounds, q)?,
                scan.q_counts[i - 1].clone(),
            ));
            if i >= 2 {
                out.push(opts.report(
                    "r_recursion",
                    p(i),
                    cache.r_count(i, bounds, q)?,
                    scan.r_counts[i - 1].clone(),
                ));
            }
        }
        let union: BigUint = scan.q_counts[i - 1..].iter().sum();
        out.push(opts.report("disjoint_union", p(i), union, scan.r_counts[i - 1].clone()));
    }
    out.push(opts.report(
        "q_disjoint",
        params([("q", q.to_string()), ("bounds", bounds.to_string())]),
        BigUint::default(),
        BigUint::from(scan.overlaps + scan.uncovered),
    ));
    if let Some(lowered) = bounds.decremented(1) {
        let lowered_scan = qr_scan(&lowered, field, &opts.budget)?;
        let factor = BigUint::from(q).pow(n as u32 - 1);
        for i in 2..=n {
            if bounds.tail_descending_positive(i) {
                let scaled = &factor * &lowered_scan.r_counts[i - 1];
                out.push(opts.report("r_scaling", p(i), scaled, scan.r_counts[i - 1].clone()));
            }
        }
    }
    Ok(out)
}

/// Runs the whole grid; the first refusal aborts the run.
pub fn run_grid(grid: &GridSpec, opts: &VerifyOptions) -> Result<Vec<CountReport>> {
    let mut out = Vec::new();
    for pt in &grid.orbit_points {
        let field = Field::prime(pt.q)?;
        for k in 0..=pt.k_max {
            out.extend(verify_orbits(&field, pt.n, k, opts)?);
            out.extend(verify_census(&field, pt.n, k, opts)?);
        }
    }
    for &q in &grid.lemma2_qs {
        let field = Field::prime(q)?;
        for n in 1..=grid.lemma2_max_n {
            for sum in 0..=grid.lemma2_max_sum {
                for bounds in bound_vectors(n, sum) {
                    out.extend(verify_lemma2(&field, &bounds, opts)?);
                    out.extend(verify_recursions(&field, &bounds, opts)?);
                }
            }
        }
    }
    Ok(out)
}

/// True when every report passes.
pub fn all_pass(reports: &[CountReport]) -> bool {
    reports.iter().all(CountReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(b: &[u32]) -> BoundVector {
        BoundVector::new(b.to_vec()).unwrap()
    }

    #[test]
    fn small_runs_pass() {
        let f = Field::prime(2).unwrap();
        let opts = VerifyOptions::default();
        assert!(all_pass(&verify_orbits(&f, 2, 1, &opts).unwrap()));
        assert!(all_pass(&verify_census(&f, 2, 1, &opts).unwrap()));
        assert!(all_pass(&verify_lemma2(&f, &bv(&[1, 1]), &opts).unwrap()));
        let rec = verify_recursions(&f, &bv(&[2, 1, 1]), &opts).unwrap();
        assert!(all_pass(&rec));
        assert!(rec.iter().any(|r| r.check == "r_scaling"));
    }

    #[test]
    fn injected_mismatch_fails() {
        let f = Field::prime(2).unwrap();
        let opts = VerifyOptions {
            inject_mismatch: true,
            ..Default::default()
        };
        let reports = verify_census(&f, 2, 1, &opts).unwrap();
        assert!(reports.iter().all(|r| !r.passed()));
    }
}
