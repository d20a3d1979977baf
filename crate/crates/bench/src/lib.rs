//! Inputs shared by the benchmarks.

use polyorbit::{Field, Poly, PolyMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A nonsingular `n x n` matrix over `field` with entries of degree at most `max_deg`,
/// drawn deterministically from `seed`.
pub fn random_nonsingular(field: &Field, n: usize, max_deg: usize, seed: u64) -> PolyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.q();
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let v: Vec<u32> = (0..=max_deg).map(|_| rng.gen_range(0..q)).collect();
                        Poly::from_values(field, &v).expect("values below q")
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::new(field, rows).expect("square");
        if !polyorbit::polymat::det(&m).expect("square").is_zero() {
            return m;
        }
    }
}

/// `diag(1, ..., 1, x^t)`.
pub fn corner_rep(field: &Field, n: usize, t: usize) -> PolyMatrix {
    let mut diag = vec![Poly::one(); n];
    diag[n - 1] = Poly::monomial(polyorbit::FieldElem::ONE, t);
    PolyMatrix::diagonal(field, &diag)
}
