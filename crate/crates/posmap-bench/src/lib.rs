//! Shared fixtures for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use posmap::*;

/// Deterministic Haar-random construction input of the given dimension.
pub fn sample_orthogonal(dim: usize, seed: u64) -> OrthogonalMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    haar_orthogonal(dim, &mut rng)
}

/// A positivity-boundary map (the slow case for the optimizer).
pub fn boundary_map(n: usize, seed: u64) -> DiagonalTypeMap {
    torus_sample(n, 1, seed).expect("valid dimension")[0].to_map()
}

/// A map violating positivity away from the boundary.
pub fn violating_map() -> DiagonalTypeMap {
    DiagonalTypeMap::circulant(&[0.5, 1.4, 0.1]).expect("n = 3")
}
