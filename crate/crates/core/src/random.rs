//! Seeded pseudo-random inputs for the sampling checks and test sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::rational::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `p/d` with `|p| <= 9` and `1 <= d <= 4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn small_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// Like [`small_vector`] but each entry is zero with probability `1 - density`.
pub fn sparse_vector(rng: &mut impl Rng, n: usize, density: f64) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(density) {
                small_rational(rng)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Random anticommutative algebra of dimension `n`; each structure constant
/// `γ_ij^k` with `i < j` is nonzero with probability `density`.
pub fn anticommutative_algebra(rng: &mut impl Rng, n: usize, density: f64) -> Algebra {
    let mut products = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    let c = Rational::integer(rng.gen_range(-3..=3));
                    if !c.is_zero() {
                        products.push((j, i, k, -&c));
                        products.push((i, j, k, c));
                    }
                }
            }
        }
    }
    Algebra::from_products(default_labels(n), &products).expect("indices in range")
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}
