//! Listing canonical Hermite forms by determinant degree.

use super::space::MatrixSpace;
use super::EnumerationBudget;
use crate::algebra::{Field, Poly};
use crate::counting::compositions;
use crate::error::Result;
use crate::polymat::PolyMatrix;

/// Every canonical Hermite form of size `n` with `deg det = t`, each once:
/// compositions in lexicographic order, then the scan order of the free
/// coefficients (lower diagonal coefficients, then reduced entries above).
pub fn enumerate_hnf_reps(
    field: &Field,
    n: usize,
    t: u32,
    budget: &EnumerationBudget,
) -> Result<Vec<PolyMatrix>> {
    let mut reps = Vec::new();
    for comp in compositions(n, t) {
        let degs = comp.parts();
        // free coefficients: d_j below its leading term, and each entry above d_j below deg d_j
        let free: u64 = degs
            .iter()
            .enumerate()
            .map(|(j, &d)| d as u64 * (j as u64 + 1))
            .sum();
        budget.admit_items(reps.len() as u64 + budget.admit(field.q(), free)?)?;
        let diag: Vec<Poly> = degs
            .iter()
            .map(|&d| Poly::monomial(crate::FieldElem::ONE, d as usize))
            .collect();
        let mut space = MatrixSpace::fixed(&PolyMatrix::diagonal(field, &diag));
        for (j, &d) in degs.iter().enumerate() {
            for i in 0..=j {
                for deg in 0..d as usize {
                    space = space.free(i, j, deg);
                }
            }
        }
        let count = (field.q() as u64).pow(space.slot_count() as u32);
        space.scan(0..count, |m| reps.push(m.clone()));
    }
    Ok(reps)
}
