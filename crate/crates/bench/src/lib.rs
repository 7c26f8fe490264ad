//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use veronese_core::{build_variety, Collineation, VeroneseanCap};

/// Desk-scale parameters `(n, d, p)`.
pub const CASES: [(usize, usize, u64); 5] = [(2, 2, 5), (2, 2, 7), (1, 3, 7), (2, 3, 7), (3, 2, 5)];

pub fn label((n, d, p): (usize, usize, u64)) -> String {
    format!("n{n}_d{d}_p{p}")
}

/// The standard variety with its curves dropped, so benchmarks include
/// curve recognition.
pub fn bare(case: (usize, usize, u64)) -> VeroneseanCap {
    let (n, d, p) = case;
    build_variety(n, d, p)
        .expect("supported case")
        .without_curves()
}

/// The standard variety moved by a random collineation.
pub fn scrambled(case: (usize, usize, u64), seed: u64) -> VeroneseanCap {
    let (n, d, p) = case;
    let cap = build_variety(n, d, p).expect("supported case");
    let g = Collineation::random(
        cap.field(),
        cap.ambient_dim(),
        &mut ChaCha8Rng::seed_from_u64(seed),
    );
    cap.transformed(g.matrix()).expect("invertible")
}
