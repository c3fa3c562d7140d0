use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ExactScalar, Poly, PolyVector};

/// Vector with integer coefficients in `[-9, 9]`, deterministic in `seed`.
pub fn random_poly_vector(dim: usize, max_degree: usize, seed: u64) -> PolyVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly_vector_with(&mut rng, dim, max_degree)
}

pub fn random_poly_vector_with<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_degree: usize) -> PolyVector {
    PolyVector(
        (0..dim)
            .map(|_| Poly::new((0..=max_degree).map(|_| ExactScalar::from_int(rng.gen_range(-9..=9))).collect()))
            .collect(),
    )
}
